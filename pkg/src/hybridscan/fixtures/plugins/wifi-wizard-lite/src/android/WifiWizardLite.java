package org.example.wifiwizardlite;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.net.wifi.WifiManager;
import android.net.wifi.ScanResult;

public class WifiWizardLite extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        WifiManager wm = (WifiManager) cordova.getActivity().getSystemService("wifi");
        JSONArray networks = new JSONArray();
        for (ScanResult r : wm.getScanResults()) {
            JSONObject n = new JSONObject();
            n.put("SSID", r.SSID);
            n.put("level", r.level);
            networks.put(n);
        }
        callbackContext.success(networks);
        return true;
    }
}
