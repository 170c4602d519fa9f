package org.example.vibratepattern;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.os.Vibrator;

public class VibratePattern extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        Vibrator v = (Vibrator) cordova.getActivity().getSystemService("vibrator");
        v.vibrate(args.getLong(0));
        callbackContext.success();
        return true;
    }
}
