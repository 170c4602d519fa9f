package org.example.smsreceiver;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.telephony.SmsMessage;

public class SmsReceiver extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        SmsMessage msg = SmsMessage.createFromPdu(args.getString(0).getBytes());
        JSONObject sms = new JSONObject();
        sms.put("address", msg.getOriginatingAddress());
        sms.put("body", msg.getMessageBody());
        PluginResult result = new PluginResult(PluginResult.Status.OK, sms);
        result.setKeepCallback(true);
        callbackContext.sendPluginResult(result);
        return true;
    }
}
