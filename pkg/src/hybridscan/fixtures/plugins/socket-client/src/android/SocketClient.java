package org.example.socketclient;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import org.java_websocket.client.WebSocketClient;

public class SocketClient extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        WebSocketClient ws = connect(args.getString(0));
        callbackContext.sendPluginResult(new PluginResult(PluginResult.Status.OK, ws.receive()));
        return true;
    }
}
